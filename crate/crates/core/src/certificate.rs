//! Serializable evidence for every verdict the checkers emit.
//!
//! Each variant carries enough data to be re-checked by [`crate::replay`]
//! without rerunning the procedure that produced it.

use serde::{Deserialize, Serialize};

use crate::conditions::AnyElement;
use crate::finite_space::{BlockIndicators, FiniteFunc, FiniteInsertion, FiniteSpace, SeparationCertificate};
use crate::insertion::{IterationTrace, MergeTrace};
use crate::scalar::Scalar;
use crate::seq_model::{
    GeoTail, IdealMembership, LindelofSelection, MaximalityWitness, NoncompactDefeat,
    NoncompactFamily, SeqFunc, YSet, ZeroSetOfIdeal,
};

/// Which countable interpolation shape a pair of families realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InterpolationForm {
    /// `f <= ⋀a <= ⋁b <= g`.
    MeetThenJoin,
    /// `f <= ⋁a <= ⋀b <= g`.
    JoinThenMeet,
    /// `f <= ⋀a = ⋁b <= g`.
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// Finite families realizing an interpolation form between `lower` and
    /// `upper`.
    Interpolation {
        form: InterpolationForm,
        lower: AnyElement,
        upper: AnyElement,
        a_seq: Vec<AnyElement>,
        b_seq: Vec<AnyElement>,
    },
    /// A merge of meet-side and join-side families sitting between `lower`
    /// and `upper`.
    Merge { lower: AnyElement, upper: AnyElement, trace: MergeTrace<AnyElement> },
    /// The doubly indexed families on `ℕ` whose meet is `meet_target` and
    /// whose join is `join_target`, checked for indices and `m` below `depth`.
    CountableSandwich {
        lower: SeqFunc,
        upper: SeqFunc,
        meet_target: SeqFunc,
        join_target: SeqFunc,
        depth: usize,
    },
    /// A representable `witness` with `lower <= witness <= upper`; `gap` is
    /// the uniform gap assumed between the bounds, if any.
    Insertion {
        lower: AnyElement,
        upper: AnyElement,
        gap: Option<Scalar>,
        witness: AnyElement,
    },
    /// `limsup lower > liminf upper` on `ℕ`.
    NoConvergentInsertion {
        lower: SeqFunc,
        upper: SeqFunc,
        gap: Option<Scalar>,
        limsup: Scalar,
        liminf: Scalar,
    },
    Iteration { trace: IterationTrace<AnyElement> },
    /// `family[i]` for `i` in `indices` join to something nonnegative.
    Subcover { eps: Scalar, family: Vec<AnyElement>, indices: Vec<usize> },
    /// One member above `eps/2` at every index of `ℕ` up to the family's
    /// period horizon.
    Lindelof { eps: Scalar, family: Vec<SeqFunc>, selection: LindelofSelection },
    /// Finite subfamilies of the truncated cover and where each one fails.
    NoncompactDefeats { family: NoncompactFamily, defeats: Vec<NoncompactDefeat> },
    Conjunction { parts: Vec<Certificate> },
    IdealMembership { f: SeqFunc, membership: IdealMembership },
    TailMembership { f: GeoTail, membership: IdealMembership },
    ZeroSet(ZeroSetOfIdeal),
    Maximality(MaximalityWitness),
    Minorant { b: SeqFunc, n: usize, a: SeqFunc },
    Blocks { space: FiniteSpace, result: BlockIndicators },
    /// Continuous insertion on `Y` and the threshold sets read off it.
    ThresholdRoundTrip { lower: SeqFunc, upper: SeqFunc, witness: SeqFunc, u: YSet, v: YSet },
    FiniteInsertion { lower: FiniteFunc, upper: FiniteFunc, outcome: FiniteInsertion },
    Normality { space: FiniteSpace, normal: bool, certificate: Option<SeparationCertificate> },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Interpolation { .. } => "Interpolation",
            Certificate::Merge { .. } => "Merge",
            Certificate::CountableSandwich { .. } => "CountableSandwich",
            Certificate::Insertion { .. } => "Insertion",
            Certificate::NoConvergentInsertion { .. } => "NoConvergentInsertion",
            Certificate::Iteration { .. } => "Iteration",
            Certificate::Subcover { .. } => "Subcover",
            Certificate::Lindelof { .. } => "Lindelof",
            Certificate::NoncompactDefeats { .. } => "NoncompactDefeats",
            Certificate::Conjunction { .. } => "Conjunction",
            Certificate::IdealMembership { .. } => "IdealMembership",
            Certificate::TailMembership { .. } => "TailMembership",
            Certificate::ZeroSet(_) => "ZeroSet",
            Certificate::Maximality(_) => "Maximality",
            Certificate::Minorant { .. } => "Minorant",
            Certificate::Blocks { .. } => "Blocks",
            Certificate::ThresholdRoundTrip { .. } => "ThresholdRoundTrip",
            Certificate::FiniteInsertion { .. } => "FiniteInsertion",
            Certificate::Normality { .. } => "Normality",
        }
    }
}
