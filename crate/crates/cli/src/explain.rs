//! Plain-language statements of what each task computes or checks.

use crate::tasks::{Slot, TaskKind};

pub struct Explanation {
    pub statement: &'static str,
    pub hypotheses: &'static [&'static str],
    /// What makes the task fail (beyond unmet expectations).
    pub verdict: &'static str,
}

pub fn explain(kind: TaskKind) -> Explanation {
    use TaskKind::*;
    let (statement, hypotheses, verdict): (&str, &[&str], &str) = match kind {
        GroupInfo => (
            "Family, generators, order (when finite), commutativity and defining relators of a group.",
            &[],
            "never fails",
        ),
        ValidateRep => (
            "Evaluates every relator of the group on the representation and reports the largest deviation from the identity.",
            &[],
            "a relator violation is rejected when the document is parsed",
        ),
        Certify => (
            "Finds a positive-definite form P with ρ_sᵀ P ρ_s = P for every generator, which bounds sup_g ‖ρ_g‖.",
            &[],
            "fails when no invariant form is found",
        ),
        Margin => (
            "Computes κ = inf over unit vectors v of max over the given words s of ‖v − ρ_s v‖ in the invariant norm. κ > 0 means there are no almost invariant vectors.",
            &["ρ admits an invariant positive-definite form"],
            "fails when κ = 0",
        ),
        Cesaro => (
            "The Cesàro averages of the powers of ρ_μ = Σ μ(g) ρ_g converge to a projection E with E² = E, ρ_μE = E = Eρ_μ, im E = ker Δ_μ and ker E = im Δ_μ, where Δ_μ = I − ρ_μ.",
            &["sup_n ‖ρ_μⁿ‖ < ∞ (certified by an invariant form)"],
            "fails when any of the four identities does not hold",
        ),
        StationaryDecomposition => (
            "V splits as im Δ_μ ⊕ V^μ, where V^μ is the space of ρ_μ-fixed vectors.",
            &["ρ_μ power bounded"],
            "fails when the two subspaces intersect nontrivially",
        ),
        WeakStationarity => (
            "Every nonzero functional fixed by the opposite measure pairs nontrivially with some ρ_μ-fixed vector.",
            &["finite-dimensional module"],
            "fails when the pairing between the two fixed spaces is degenerate",
        ),
        HarmonicSpace => (
            "Dimension of the space of μ-harmonic functions f(g) = Σ_h f(gh) μ(h) on a finite group, compared with the number of cosets of the subgroup generated by the support of μ.",
            &["finite group"],
            "fails when the dimension differs from the coset count",
        ),
        Liouville => (
            "Whether every μ-harmonic function is constant along right translation by the support of μ.",
            &["finite group"],
            "never fails",
        ),
        StationaryStates => (
            "The convex set of states τ on a direct sum of matrix algebras with τ = Σ μ(g) τ∘α_g: its affine dimension, an interior point and whether it is a single state.",
            &["the action permutes blocks and conjugates by unitaries"],
            "never fails",
        ),
        StationarityEquivalence => (
            "When the μ-fixed subalgebra consists of scalars, the action is uniquely stationary exactly when it is weakly uniquely stationary.",
            &["the action permutes blocks and conjugates by unitaries"],
            "fails when the computed sides disagree",
        ),
        GmuInvariance => (
            "The ergodic projection E is invariant under ρ_g for every g in the subgroup generated by the support of μ (or the given subgroup).",
            &["ρ_μ power bounded"],
            "fails when some generator moves E",
        ),
        ConvexApproximation => (
            "Finds a finite convex combination of the ρ_g (weights from powers of μ) approximating E on the given vectors to within ε.",
            &["ρ_μ power bounded"],
            "fails when the error is not below ε",
        ),
        H1 => (
            "Dimensions of Z¹, B¹ and H¹ = Z¹/B¹ computed from the relators of the group, with representatives of a complement of B¹ in Z¹.",
            &[],
            "never fails",
        ),
        Hn => (
            "Dimensions of Zⁿ, Bⁿ and Hⁿ computed from the bar complex of a finite group.",
            &["finite group", "the dense differential fits the entry budget"],
            "never fails",
        ),
        Coboundary => (
            "Decides whether β(s) = v − ρ_s v has a solution v and returns the minimal-norm one.",
            &[],
            "never fails; the status reports the answer",
        ),
        HarmonicDecomposition => (
            "Z¹ = B¹ ⊕ H¹_μ, where H¹_μ is the space of cocycles whose μ-mean Σ μ(g) β(g) vanishes.",
            &["‖ρ_μ‖ < 1 in the certified norm"],
            "fails when the dimensions do not add up or the sum is not direct",
        ),
        Compress => (
            "For N and C with C inside the centralizer of N, the cocycle b restricted to N is cohomologous to a cocycle with values in V^μ, obtained by applying E to its values, and the difference has an explicit primitive. In degree 2 the same holds on finite groups through the bar complex.",
            &["C ⊆ C_G(N)", "μ supported on C", "ρ_μ power bounded"],
            "fails when the compressed cocycle violates a relator of N, leaves V^μ, or the primitive does not reproduce the difference",
        ),
        Homotopy => (
            "For c centralizing N, ρ_c∘b∘c⁻¹ − b restricted to N is the coboundary of an explicit cochain h, checked on every evaluated tuple.",
            &["c centralizes N"],
            "fails when the identity does not hold",
        ),
        ComplementB1 => (
            "The image of Z¹(N, V) under E is complemented, and B¹(N, V) splits as B¹(N, im Δ_μ) plus the fixed part.",
            &["C ⊆ C_G(N)", "μ supported on C", "ρ_μ power bounded"],
            "fails when the projection is not idempotent or its image is wrong",
        ),
        CenterDecompose => (
            "For μ supported on the center, Zⁿ(G, V) = Bⁿ(G, im Δ_μ) ⊕ Zⁿ(G, V^μ).",
            &["μ supported on the center", "ρ_μ power bounded"],
            "fails when the decomposition is not direct",
        ),
        CenterQuotient => (
            "For μ supported on the center Z, H¹(G, V) is isomorphic to H¹(G/Z, V^μ) by inflation.",
            &["μ supported on the center", "ρ_μ power bounded"],
            "fails when inflation is not bijective on classes",
        ),
        FactorCenter => (
            "E∘b either vanishes on the center, so it factors through G/Z with values in V^μ, or a central generator with nonzero value is returned with its growth rate.",
            &["μ supported on the center"],
            "never fails; a counterexample is a valid answer",
        ),
        NilpotentReduce => (
            "For nilpotent G, Z¹(G, V) ≅ Z¹(G^ab, V^[G,G]) ⊕ W with every element of W a coboundary; H¹ of G and of the abelianization with coefficients in V^[G,G] have equal dimension.",
            &["G free abelian, Heisenberg or a finite nilpotent table"],
            "fails when the reduction does not account for every cocycle",
        ),
        ProductIso => (
            "For G = G₁ × G₂, H¹(G, V) ≅ H¹(G₁, V^G₂) ⊕ H¹(G₂, V^G₁) via harmonic projection and restriction, with inverse (b₁, b₂) ↦ b₁(g) + b₂(h).",
            &["‖ρ_μ₁ ρ_μ₂‖ < 1", "V^μ₁ = V^G₁", "V^μ₂ = V^G₂"],
            "fails when a hypothesis fails (unless forced) or the maps are not mutually inverse",
        ),
        ProductEmbed => (
            "For G = G₁ × G₂, [b] ↦ [E_μ₂∘b on G₁] ⊕ [E_μ₁∘b on G₂] embeds H¹(G, V); it is onto when V^μᵢ = V^Gᵢ.",
            &["ρ restricted to G₁ has no almost invariant vectors (κ > 0)"],
            "fails when κ = 0 (unless forced) or the map is not injective",
        ),
        Transversal => (
            "Left coset representatives of a finite-index subgroup, identity first.",
            &["finite index"],
            "never fails",
        ),
        InduceRep => (
            "The induced representation on the ℓ^p sum of [G:Γ] copies of V, built from χ_D(g, x), the element of Γ returning g·x into the transversal.",
            &["finite index"],
            "fails when the induced images do not preserve the block form",
        ),
        InduceCocycle => (
            "Induces a cocycle of Γ to a cocycle of G with values in the induced module.",
            &["finite index"],
            "fails when the induced cocycle violates a relator of G",
        ),
        InductionCheck => (
            "H¹(Γ, V) ≅ H¹(G, Ind V): both dimensions agree and induced representatives stay independent.",
            &["finite index"],
            "fails when the dimensions differ",
        ),
        InductionStages => (
            "Inducing from Γ to Λ and then to G is equivalent to inducing from Γ to G directly, by an explicit block permutation.",
            &["Γ ≤ Λ ≤ G of finite index"],
            "fails when no intertwiner is found",
        ),
    };
    Explanation { statement, hypotheses, verdict }
}

/// Text printed by `cocyclelab explain <task>`.
pub fn render(kind: TaskKind) -> String {
    let e = explain(kind);
    let (required, optional) = kind.slots();
    let keys = |s: &[Slot]| s.iter().map(|s| s.key()).collect::<Vec<_>>().join(", ");
    let mut out = format!("{}\n\n{}\n", kind.name(), e.statement);
    if !e.hypotheses.is_empty() {
        out.push_str("\nHypotheses:\n");
        for h in e.hypotheses {
            out.push_str(&format!("  - {h}\n"));
        }
    }
    out.push_str(&format!("\nInputs: {}\n", keys(required)));
    if !optional.is_empty() {
        out.push_str(&format!("Optional: {}\n", keys(optional)));
    }
    out.push_str(&format!("Verdict: {}\n", e.verdict));
    out
}
